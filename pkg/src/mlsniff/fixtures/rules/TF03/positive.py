from tensorflow.keras.preprocessing.image import ImageDataGenerator

datagen = ImageDataGenerator()  # expect: TF03
