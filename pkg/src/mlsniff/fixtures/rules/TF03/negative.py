from tensorflow.keras.preprocessing.image import ImageDataGenerator

datagen = ImageDataGenerator(rotation_range=10, horizontal_flip=True)  # near-miss: TF03
